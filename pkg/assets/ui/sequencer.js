/**
 * Latest-only response gate.
 *
 * Every outgoing request takes a monotonically increasing sequence number;
 * a response may render only if no newer request has been issued or
 * rendered since. Stale responses are discarded, never rendered.
 */
export class ResponseSequencer {
    constructor() {
        this.nextSeq = 1;
        this.latestIssued = 0;
        this.latestRendered = 0;
    }
    /** Allocate the sequence number for a new outgoing request. */
    issue() {
        this.latestIssued = this.nextSeq;
        return this.nextSeq++;
    }
    /**
     * Ask to render the response for `seq`. Returns true exactly when this
     * response is the newest issued and nothing newer has rendered.
     */
    tryRender(seq) {
        if (seq < this.latestIssued || seq <= this.latestRendered) {
            return false;
        }
        this.latestRendered = seq;
        return true;
    }
    /** True while a request newer than the last rendered one is outstanding. */
    get inFlight() {
        return this.latestIssued > this.latestRendered;
    }
}
